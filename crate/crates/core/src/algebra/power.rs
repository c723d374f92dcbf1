//! Closed and enumerative formulas for `x_i^m r`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Algebra, SkewPoly};
use crate::coeff::{commutation_audit, CoeffPoly};
use crate::error::{Result, SpbwError};
use crate::exponents;
use crate::scalar::Scalar;

fn binomial(m: u32, k: u32) -> Scalar {
    let mut c = BigInt::from(1);
    for i in 0..k {
        c = c * BigInt::from(m - i) / BigInt::from(i + 1);
    }
    Scalar::from_rational(BigRational::from_integer(c))
}

fn power_of_gen(i: usize, k: u32) -> Vec<u32> {
    let mut e = vec![0; i + 1];
    e[i] = k;
    exponents::trim(e)
}

/// `Σ_k C(m,k) σ^{m-k}(δ^k(r)) x_i^{m-k}`, valid when σ_i and δ_i commute.
pub fn power_commute_closed(alg: &Algebra, i: usize, m: u32, r: &CoeffPoly) -> Result<SkewPoly> {
    let pres = alg.presentation();
    let (s, d) = (&pres.sigma[i], &pres.delta[i]);
    let audit = commutation_audit(std::slice::from_ref(s), std::slice::from_ref(d));
    if !audit.self_commute[0] {
        return Err(SpbwError::Unsupported(format!(
            "sigma and delta of {} do not commute",
            pres.symbols.gens[i]
        )));
    }
    let mut out = SkewPoly::zero();
    let mut dk = r.clone();
    for k in 0..=m {
        let mut c = dk.clone();
        for _ in 0..m - k {
            c = s.apply(&c);
        }
        out.add_term(power_of_gen(i, m - k), c.scale(&binomial(m, k)));
        dk = d.apply(&dk);
    }
    Ok(out)
}

/// Sum over all words in σ and δ of length `m`; the word `f_1 ... f_m` contributes
/// `f_1(f_2(...f_m(r)))` times `x_i` to the number of σ letters.
pub fn power_commute_generic(alg: &Algebra, i: usize, m: u32, r: &CoeffPoly) -> SkewPoly {
    let pres = alg.presentation();
    let (s, d) = (&pres.sigma[i], &pres.delta[i]);
    let mut out = SkewPoly::zero();
    for mask in 0u64..(1u64 << m) {
        let mut c = r.clone();
        // bit b set means letter f_{m-b} is δ; apply innermost first
        for b in 0..m {
            c = if mask >> b & 1 == 1 { d.apply(&c) } else { s.apply(&c) };
            if c.is_zero() {
                break;
            }
        }
        let sigmas = m - mask.count_ones();
        out.add_term(power_of_gen(i, sigmas), c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::rewrite::{normalize_word, Letter, Order};
    use super::*;
    use crate::coeff::{CoeffEndo, CoeffSigmaDerivation, Symbols};
    use crate::algebra::Presentation;

    fn oracle(alg: &Algebra, i: usize, m: u32, r: &CoeffPoly) -> SkewPoly {
        let mut w = vec![Letter::Gen(i); m as usize];
        w.push(Letter::Coef(r.clone()));
        normalize_word(alg, w, Order::Rightmost)
    }

    fn t() -> CoeffPoly {
        CoeffPoly::var(0)
    }

    #[test]
    fn closed_form_examples() {
        let a = jordan();
        let f = power_commute_closed(&a, 0, 2, &t()).unwrap();
        assert_eq!(a.render(&f), "t*x^2 + 2*t^2*x + 2*t^3");
        assert_eq!(f, oracle(&a, 0, 2, &t()));
        assert_eq!(power_commute_closed(&a, 0, 0, &t()).unwrap(), SkewPoly::constant(t()));
    }

    #[test]
    fn weyl_over_t() {
        let s = CoeffEndo::identity(1);
        let d = CoeffSigmaDerivation::new(vec![CoeffPoly::one()], s.clone());
        let sym = Symbols { params: vec![], coeffs: vec!["t".into()], gens: vec!["x".into()] };
        let a = Algebra::new(Presentation::new("w", sym, vec![s], vec![d], Default::default()).unwrap());
        let f = power_commute_closed(&a, 0, 2, &t()).unwrap();
        assert_eq!(a.render(&f), "t*x^2 + 2*x");
    }

    #[test]
    fn generic_matches_rewriting() {
        let a = qweyl();
        let f = power_commute_generic(&a, 0, 1, &t());
        assert_eq!(a.render(&f), "q*t*x + 1");
        for m in 0..=6 {
            for k in 0..=3 {
                let r = t().pow(k);
                assert_eq!(power_commute_generic(&a, 0, m, &r), oracle(&a, 0, m, &r));
            }
        }
        // σ(t) = q t, δ(t) = 1 do not commute
        assert!(power_commute_closed(&a, 0, 2, &t()).is_err());
        let f = power_commute_generic(&a, 0, 2, &t());
        assert_eq!(a.render(&f), "q^2*t*x^2 + (q + 1)*x");
    }
}
