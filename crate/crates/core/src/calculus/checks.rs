//! d² = 0, connectedness, graded Leibniz, the volume form and integrability.

use std::collections::HashMap;

use rand::Rng;

use super::{Calculus, DiffForm};
use crate::algebra::SkewPoly;
use crate::audit::{AuditRecord, Status};
use crate::error::{Result, SpbwError};
use crate::extended::AlgebraEndo;
use crate::linalg::{Echelon, SparseVec};
use crate::sample::{self, SampleRng};
use crate::scalar::Scalar;

fn record(name: &str, witnesses: Vec<String>, ok_summary: String) -> AuditRecord {
    if witnesses.is_empty() {
        AuditRecord::new(name, Status::Pass, ok_summary)
    } else {
        let mut r = AuditRecord::new(name, Status::Fail, format!("{} failures", witnesses.len()));
        r.witnesses = witnesses;
        r
    }
}

pub fn d_squared_check(calc: &Calculus, degree_bound: u32) -> AuditRecord {
    let alg = calc.algebra();
    let mut witnesses = Vec::new();
    let monos = alg.basis_monomials(degree_bound);
    for (g, a) in &monos {
        let f = alg.basis_element(g, a);
        let dd = calc.differential(&calc.d_function(&f));
        if !dd.is_zero() {
            witnesses.push(format!("d(d({})) = {}", alg.render(&f), calc.render(&dd)));
        }
        for i in 0..calc.dim() {
            let w = DiffForm::basis(vec![i], f.clone());
            let dd = calc.differential(&calc.differential(&w));
            if !dd.is_zero() {
                witnesses.push(format!("d(d({})) = {}", calc.render(&w), calc.render(&dd)));
            }
        }
        if witnesses.len() >= 3 {
            break;
        }
    }
    record(
        "d-squared",
        witnesses,
        format!("d(d(m)) = 0 on {} monomials of degree <= {degree_bound} and their 1-forms", monos.len()),
    )
}

#[derive(Clone, Debug)]
pub struct Connectedness {
    pub degree_bound: u32,
    pub kernel_dim: usize,
    pub kernel: Vec<SkewPoly>,
    pub record: AuditRecord,
}

/// Kernel of d on the span of normal monomials of degree at most the bound.
pub fn connectedness_check(calc: &Calculus, degree_bound: u32) -> Connectedness {
    let alg = calc.algebra();
    let monos = alg.basis_monomials(degree_bound);
    let mut index: HashMap<(usize, Vec<u32>, Vec<u32>), usize> = HashMap::new();
    let mut ech = Echelon::new();
    let mut kernel = Vec::new();
    for (col, (g, a)) in monos.iter().enumerate() {
        let df = calc.d_function(&alg.basis_element(g, a));
        let mut v = SparseVec::new();
        for (s, f) in df.comps() {
            for (gg, aa, c) in f.basis_terms() {
                let next = index.len();
                let k = *index.entry((s[0], gg.clone(), aa.clone())).or_insert(next);
                v.insert(k, c.clone());
            }
        }
        if let Some(combo) = ech.insert(col, v) {
            let mut f = SkewPoly::zero();
            for (c, s) in combo {
                let (g, a) = &monos[c];
                f = &f + &SkewPoly::basis(g.clone(), a.clone(), s);
            }
            kernel.push(f);
        }
    }
    let kernel_dim = kernel.len();
    let mut rec = AuditRecord::new(
        "connectedness",
        Status::from_bool(kernel_dim == 1),
        format!("kernel of d has dimension {kernel_dim} up to degree {degree_bound}"),
    );
    if kernel_dim != 1 {
        for f in kernel.iter().take(8) {
            rec = rec.with_witness(format!("closed: {}", alg.render(f)));
        }
    }
    Connectedness { degree_bound, kernel_dim, kernel, record: rec }
}

/// `du_S·f` with a random S of the given size.
fn random_form(calc: &Calculus, rng: &mut SampleRng, k: usize, degree: u32) -> DiffForm {
    let s = sample::random_subset(rng, calc.dim(), k);
    DiffForm::basis(s, sample::random_element(calc.algebra(), rng, degree))
}

pub fn graded_leibniz_check(calc: &Calculus, samples: usize, degree: u32, seed: u64) -> AuditRecord {
    let mut rng = sample::rng(seed);
    let n = calc.dim();
    let mut witnesses = Vec::new();
    for _ in 0..samples {
        let p = rng.gen_range(0..=n);
        let q = rng.gen_range(0..=n - p);
        let a = random_form(calc, &mut rng, p, degree);
        let b = random_form(calc, &mut rng, q, degree);
        let lhs = calc.differential(&calc.wedge(&a, &b));
        let second = calc.wedge(&a, &calc.differential(&b));
        let first = calc.wedge(&calc.differential(&a), &b);
        let rhs = if p % 2 == 0 { &first + &second } else { &first - &second };
        if lhs != rhs {
            witnesses.push(format!("a = {}, b = {}", calc.render(&a), calc.render(&b)));
            break;
        }
    }
    record("graded-leibniz", witnesses, format!("{samples} sampled pairs of degree <= {degree}"))
}

pub fn wedge_associativity_check(calc: &Calculus, samples: usize, degree: u32, seed: u64) -> AuditRecord {
    let mut rng = sample::rng(seed);
    let n = calc.dim();
    let mut witnesses = Vec::new();
    for _ in 0..samples {
        let k: Vec<usize> = (0..3).map(|_| rng.gen_range(0..=n.min(2))).collect();
        let f: Vec<DiffForm> = k.iter().map(|&k| random_form(calc, &mut rng, k, degree)).collect();
        let l = calc.wedge(&calc.wedge(&f[0], &f[1]), &f[2]);
        let r = calc.wedge(&f[0], &calc.wedge(&f[1], &f[2]));
        if l != r {
            witnesses.push(f.iter().map(|w| calc.render(w)).collect::<Vec<_>>().join(" | "));
            break;
        }
    }
    record("wedge-associativity", witnesses, format!("{samples} sampled triples"))
}

/// Every `du_S` with |S| ≤ 3 is the wedge of the differentials of the linear forms.
pub fn density_check(calc: &Calculus) -> AuditRecord {
    let alg = calc.algebra();
    let n = calc.dim();
    let forms: Vec<SkewPoly> = calc
        .spec()
        .dgens
        .iter()
        .map(|l| {
            l.iter().enumerate().fold(SkewPoly::zero(), |acc, (c, s)| &acc + &alg.coord(c).scale(s))
        })
        .collect();
    let mut witnesses = Vec::new();
    let mut count = 0;
    for mask in 1u32..(1 << n) {
        let s: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        if s.len() > 3 {
            continue;
        }
        count += 1;
        let w = s
            .iter()
            .fold(DiffForm::function(SkewPoly::one()), |acc, &i| calc.wedge(&acc, &calc.d_function(&forms[i])));
        if w != DiffForm::basis(s.clone(), SkewPoly::one()) {
            let name = s.iter().map(|&i| calc.spec().names[i].as_str()).collect::<Vec<_>>().join("∧");
            witnesses.push(format!("wedge of differentials for {name} gives {}", calc.render(&w)));
        }
    }
    record("density", witnesses, format!("{count} basis forms are wedges of differentials"))
}

/// ω = du_1∧⋯∧du_N with `a·ω = ω·ν_ω(a)`.
#[derive(Clone, Debug)]
pub struct Volume {
    pub top: Vec<usize>,
    pub omega: DiffForm,
    pub nu_omega: AlgebraEndo,
}

impl Volume {
    /// Right coefficient of the top component.
    pub fn pi(&self, w: &DiffForm) -> SkewPoly {
        w.component(&self.top)
    }
}

pub fn volume(calc: &Calculus) -> Result<Volume> {
    let alg = calc.algebra();
    let top: Vec<usize> = (0..calc.dim()).collect();
    let omega = DiffForm::basis(top.clone(), SkewPoly::one());
    let mut images = Vec::with_capacity(alg.ncoords());
    for c in 0..alg.ncoords() {
        let moved = calc.left_mul(&alg.coord(c), &omega);
        if moved.comps().any(|(s, _)| *s != top) {
            return Err(SpbwError::Calculus(format!("not a volume form: {} moves off the top degree", alg.coord_name(c))));
        }
        images.push(moved.component(&top));
    }
    let inverse = calc.nu_inv(&top).images().to_vec();
    let nu_omega = AlgebraEndo::new(alg, images)
        .and_then(|e| e.with_inverse(inverse))
        .map_err(|e| SpbwError::Calculus(format!("not a volume form: {e}")))?;
    Ok(Volume { top, omega, nu_omega })
}

/// `ω̄_P` with `ω̄_P∧du_P = ω`: the complement of P scaled by 1/ε.
pub fn complement(calc: &Calculus, p: &[usize]) -> DiffForm {
    let comp: Vec<usize> = (0..calc.dim()).filter(|i| !p.contains(i)).collect();
    let mut list = comp.clone();
    list.extend_from_slice(p);
    let (_, eps) = calc.sort_sign(&list).expect("disjoint index sets");
    DiffForm::basis(comp, SkewPoly::scalar(eps.inv().expect("wedge signs are nonzero")))
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << n))
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

/// The two generator identities of an integral volume form, for every k in 1..N.
pub fn integrability_check(calc: &Calculus, vol: &Volume, samples: usize, degree: u32, seed: u64) -> AuditRecord {
    let n = calc.dim();
    let nu_inv = vol.nu_omega.inverse().expect("volume twist is invertible");
    let mut rng = sample::rng(seed);
    let mut witnesses = Vec::new();
    let mut parts = Vec::new();
    for k in 1..n {
        // I1 on the du_S basis with generators du_P and complements of degree N−k
        let gens = subsets(n, k);
        for s in &gens {
            let w = DiffForm::basis(s.clone(), SkewPoly::one());
            let mut sum = DiffForm::zero();
            for p in &gens {
                let c = vol.pi(&calc.wedge(&complement(calc, p), &w));
                sum = &sum + &calc.right_mul(&DiffForm::basis(p.clone(), SkewPoly::one()), &c);
            }
            if sum != w {
                witnesses.push(format!("k={k}: first identity fails on {}", calc.render(&w)));
            }
        }
        // I2 with generators of degree N−k on sampled k-forms
        let dual = subsets(n, n - k);
        for _ in 0..samples {
            let w = random_form(calc, &mut rng, k, degree);
            let mut sum = DiffForm::zero();
            for q in &dual {
                let c = nu_inv.apply(&vol.pi(&calc.wedge(&w, &DiffForm::basis(q.clone(), SkewPoly::one()))));
                sum = &sum + &calc.left_mul(&c, &complement(calc, q));
            }
            if sum != w {
                witnesses.push(format!("k={k}: second identity fails on {}", calc.render(&w)));
                break;
            }
        }
        parts.push(format!("k={k}: {} basis forms, {samples} samples", gens.len()));
    }
    let summary = if parts.is_empty() { "no intermediate degrees".to_string() } else { parts.join("; ") };
    record("integrability", witnesses, summary)
}

/// ν_ω checked against the product of the twists applied to each coordinate.
pub fn volume_record(calc: &Calculus, vol: &Volume) -> AuditRecord {
    let alg = calc.algebra();
    let mut witnesses = Vec::new();
    for c in 0..alg.ncoords() {
        let a = alg.coord(c);
        let lhs = calc.left_mul(&a, &vol.omega);
        let rhs = calc.right_mul(&vol.omega, &vol.nu_omega.apply(&a));
        if lhs != rhs {
            witnesses.push(format!("{} does not commute through the volume form", alg.coord_name(c)));
        }
    }
    let probe = SkewPoly::basis(vec![], vec![], Scalar::from_int(1));
    if vol.pi(&calc.right_mul(&vol.omega, &probe)) != probe {
        witnesses.push("top coefficient extraction fails".into());
    }
    let mut rec = record("volume", witnesses, format!("top form {}", calc.render(&vol.omega)));
    for line in vol.nu_omega.render_images() {
        rec = rec.with_witness(format!("nu_omega: {line}"));
    }
    rec
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::algebra::fixtures::*;
    use crate::calculus::{build_calculus, CalculusSpec};

    #[test]
    fn d_squared_examples() {
        assert!(d_squared_check(&weyl_calc(), 6).passed());
        assert!(d_squared_check(&jordan_calc(), 6).passed());
        assert!(d_squared_check(&qplane_calc(), 4).passed());
    }

    #[test]
    fn connectedness_examples() {
        let c = connectedness_check(&poly_calc(2), 4);
        assert_eq!(c.kernel_dim, 1);
        assert_eq!(c.kernel[0], SkewPoly::one());
        assert_eq!(connectedness_check(&weyl_calc(), 4).kernel_dim, 1);
        assert_eq!(connectedness_check(&jordan_calc(), 4).kernel_dim, 1);
        // theorem mode over F[t]: every polynomial in t is closed
        let a = jordan();
        let misuse = build_calculus(&a, CalculusSpec::theorem(&a).unwrap()).unwrap();
        let c = connectedness_check(&misuse, 6);
        assert_eq!(c.kernel_dim, 7);
        assert_eq!(c.record.status, Status::Fail);
    }

    #[test]
    fn volume_examples() {
        let w = weyl_calc();
        let v = volume(&w).unwrap();
        assert!(v.nu_omega.is_identity());
        assert!(volume_record(&w, &v).passed());
        let q = qplane_calc();
        let v = volume(&q).unwrap();
        let a = q.algebra();
        assert_eq!(a.render(&v.nu_omega.apply(&SkewPoly::gen(0))), "(1/q)*x1");
        assert_eq!(a.render(&v.nu_omega.apply(&SkewPoly::gen(1))), "q*x2");
        assert!(volume_record(&q, &v).passed());
    }

    #[test]
    fn integrability_examples() {
        for c in [weyl_calc(), poly_calc(3), jordan_calc(), qplane_calc()] {
            let v = volume(&c).unwrap();
            let rec = integrability_check(&c, &v, 20, 3, 5);
            assert!(rec.passed(), "{rec:?}");
        }
        let w = weyl_calc();
        assert_eq!(w.render(&complement(&w, &[0])), "-dx2");
        assert_eq!(w.render(&complement(&w, &[1])), "dx1");
    }

    #[test]
    fn sampled_identities() {
        for c in [weyl_calc(), jordan_calc(), qplane_calc(), poly_calc(3)] {
            assert!(graded_leibniz_check(&c, 30, 3, 11).passed());
            assert!(wedge_associativity_check(&c, 30, 3, 12).passed());
            assert!(density_check(&c).passed());
        }
    }
}
