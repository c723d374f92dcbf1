//! Word rewriting independent of the multiplication tables, used as an oracle and
//! for the diamond check.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Algebra, SkewPoly};
use crate::audit::{AuditRecord, Status};
use crate::coeff::CoeffPoly;
use crate::exponents;

#[derive(Clone, Debug, PartialEq)]
pub enum Letter {
    Gen(usize),
    Coef(CoeffPoly),
}

/// Which redex to contract when several are available.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Leftmost,
    Rightmost,
    Seeded(u64),
}

/// A coefficient times a word.
pub type WordTerm = (CoeffPoly, Vec<Letter>);

fn redexes(word: &[Letter]) -> Vec<usize> {
    (0..word.len().saturating_sub(1))
        .filter(|&p| match (&word[p], &word[p + 1]) {
            (Letter::Coef(_), Letter::Coef(_)) => true,
            (Letter::Gen(_), Letter::Coef(_)) => true,
            (Letter::Gen(k), Letter::Gen(j)) => k > j,
            (Letter::Coef(_), Letter::Gen(_)) => false,
        })
        .collect()
}

fn splice(word: &[Letter], p: usize, middle: Vec<Letter>) -> Vec<Letter> {
    let mut out = word[..p].to_vec();
    out.extend(middle);
    out.extend_from_slice(&word[p + 2..]);
    out
}

fn coef_letter(c: &CoeffPoly) -> Vec<Letter> {
    if c.is_one() {
        Vec::new()
    } else {
        vec![Letter::Coef(c.clone())]
    }
}

/// One rewriting step at position `p`.
fn contract(alg: &Algebra, word: &[Letter], p: usize) -> Vec<Vec<Letter>> {
    let pres = alg.presentation();
    match (&word[p], &word[p + 1]) {
        (Letter::Coef(a), Letter::Coef(b)) => vec![splice(word, p, vec![Letter::Coef(a * b)])],
        (Letter::Gen(k), Letter::Coef(c)) => {
            let mut out = Vec::new();
            let s = pres.sigma[*k].apply(c);
            if !s.is_zero() {
                let mut mid = coef_letter(&s);
                mid.push(Letter::Gen(*k));
                out.push(splice(word, p, mid));
            }
            let d = pres.delta[*k].apply(c);
            if !d.is_zero() {
                out.push(splice(word, p, coef_letter(&d)));
            }
            out
        }
        (Letter::Gen(k), Letter::Gen(j)) => {
            let rel = pres.relation(*k, *j);
            let mut out = Vec::new();
            let mut mid = coef_letter(&rel.d);
            mid.extend([Letter::Gen(*j), Letter::Gen(*k)]);
            out.push(splice(word, p, mid));
            if !rel.r0.is_zero() {
                out.push(splice(word, p, coef_letter(&rel.r0)));
            }
            for (l, r) in rel.r.iter().enumerate() {
                if !r.is_zero() {
                    let mut mid = coef_letter(r);
                    mid.push(Letter::Gen(l));
                    out.push(splice(word, p, mid));
                }
            }
            out
        }
        _ => unreachable!("not a redex"),
    }
}

/// Reduce a linear combination of words to normal form.
pub fn normalize_terms(alg: &Algebra, terms: Vec<WordTerm>, strategy: Order) -> SkewPoly {
    let mut rng = match strategy {
        Order::Seeded(s) => Some(ChaCha8Rng::seed_from_u64(s)),
        _ => None,
    };
    let mut stack = terms;
    let mut out = SkewPoly::zero();
    while let Some((mut c, mut word)) = stack.pop() {
        while let Some(Letter::Coef(a)) = word.first() {
            c = &c * a;
            word.remove(0);
        }
        if c.is_zero() {
            continue;
        }
        let rs = redexes(&word);
        if rs.is_empty() {
            let mut alpha = Vec::new();
            for l in &word {
                if let Letter::Gen(i) = l {
                    alpha = exponents::increment(&alpha, *i);
                }
            }
            out.add_term(alpha, c);
            continue;
        }
        let p = match (strategy, rng.as_mut()) {
            (Order::Leftmost, _) => rs[0],
            (Order::Rightmost, _) => *rs.last().unwrap(),
            (_, Some(r)) => rs[r.gen_range(0..rs.len())],
            (_, None) => rs[0],
        };
        for w in contract(alg, &word, p) {
            stack.push((c.clone(), w));
        }
    }
    out
}

pub fn normalize_word(alg: &Algebra, word: Vec<Letter>, strategy: Order) -> SkewPoly {
    normalize_terms(alg, vec![(CoeffPoly::one(), word)], strategy)
}

/// Letters spelling out a normal-form element, one word per basis term.
pub fn words_of(f: &SkewPoly) -> Vec<WordTerm> {
    f.terms()
        .map(|(alpha, c)| {
            let mut w = Vec::new();
            for (i, &k) in alpha.iter().enumerate() {
                for _ in 0..k {
                    w.push(Letter::Gen(i));
                }
            }
            (c.clone(), w)
        })
        .collect()
}

fn render_word(alg: &Algebra, word: &[Letter]) -> String {
    word.iter()
        .map(|l| match l {
            Letter::Gen(i) => alg.symbols().gens[*i].clone(),
            Letter::Coef(c) => {
                let s = c.render(alg.symbols());
                if c.len() > 1 {
                    format!("({s})")
                } else {
                    s
                }
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Words on which the two extreme strategies must agree.
fn overlap_words(alg: &Algebra, degree_bound: u32) -> Vec<Vec<Letter>> {
    let (n, m) = (alg.ngens(), alg.ncoeffs());
    let mut words = Vec::new();
    for k in (0..n).rev() {
        for j in (0..k).rev() {
            for i in (0..j).rev() {
                words.push(vec![Letter::Gen(k), Letter::Gen(j), Letter::Gen(i)]);
            }
        }
    }
    for j in (0..n).rev() {
        for i in (0..j).rev() {
            for a in 0..m {
                words.push(vec![Letter::Gen(j), Letter::Gen(i), Letter::Coef(CoeffPoly::var(a))]);
            }
        }
    }
    for i in 0..n {
        for a in 0..m {
            for b in 0..m {
                words.push(vec![
                    Letter::Gen(i),
                    Letter::Coef(CoeffPoly::var(a)),
                    Letter::Coef(CoeffPoly::var(b)),
                ]);
            }
        }
    }
    if degree_bound > 3 {
        for len in 4..=degree_bound {
            let total = n.pow(len);
            for code in 0..total {
                let mut c = code;
                let w = (0..len)
                    .map(|_| {
                        let l = Letter::Gen(c % n);
                        c /= n;
                        l
                    })
                    .collect();
                words.push(w);
            }
        }
    }
    words
}

/// Diamond check: compare both extreme reduction orders and the multiplication
/// tables on every overlap word.
pub fn pbw_consistency_check(alg: &Algebra, degree_bound: u32) -> AuditRecord {
    let words = overlap_words(alg, degree_bound);
    let count = words.len();
    for w in words {
        let left = normalize_word(alg, w.clone(), Order::Leftmost);
        let right = normalize_word(alg, w.clone(), Order::Rightmost);
        let table = {
            let factors: Vec<SkewPoly> = w
                .iter()
                .map(|l| match l {
                    Letter::Gen(i) => SkewPoly::gen(*i),
                    Letter::Coef(c) => SkewPoly::constant(c.clone()),
                })
                .collect();
            alg.mul_all(&factors)
        };
        if left != right || left != table {
            let word = render_word(alg, &w);
            return AuditRecord::new("pbw", Status::Fail, format!("reductions of {word} disagree"))
                .with_witness(format!("word: {word}"))
                .with_witness(format!("leftmost: {}", alg.render(&left)))
                .with_witness(format!("rightmost: {}", alg.render(&right)))
                .with_witness(format!("tables: {}", alg.render(&table)));
        }
    }
    AuditRecord::new(
        "pbw",
        Status::Pass,
        format!("{count} overlap words reduce consistently (degree bound {degree_bound})"),
    )
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::scalar::Scalar;
    use proptest::prelude::*;

    #[test]
    fn weyl_normalize() {
        let a = weyl();
        let f = normalize_word(&a, vec![Letter::Gen(1), Letter::Gen(0)], Order::Leftmost);
        assert_eq!(a.render(&f), "x1*x2 - 1");
        let f = normalize_word(&a, vec![Letter::Gen(0), Letter::Gen(1)], Order::Rightmost);
        assert_eq!(a.render(&f), "x1*x2");
    }

    #[test]
    fn jordan_normalize() {
        let a = jordan();
        let t2 = CoeffPoly::var(0).pow(2);
        let f = normalize_word(&a, vec![Letter::Gen(0), Letter::Coef(t2)], Order::Leftmost);
        assert_eq!(a.render(&f), "t^2*x + 2*t^3");
    }

    #[test]
    fn diamond_results() {
        assert_eq!(pbw_consistency_check(&weyl(), 3).status, Status::Pass);
        assert_eq!(pbw_consistency_check(&qaffine3(), 4).status, Status::Pass);
        assert_eq!(pbw_consistency_check(&jordan(), 3).status, Status::Pass);
        let rec = pbw_consistency_check(&broken(), 3);
        assert_eq!(rec.status, Status::Fail);
        assert_eq!(rec.witnesses[0], "word: x3*x2*x1");
    }

    #[test]
    fn weyl_tensor_polynomial_passes() {
        let mut r = super::super::Relation::commuting(3);
        r.r0 = CoeffPoly::from_int(-1);
        let a = over_field("w3", &[], 3, vec![((1, 0), r)]);
        assert_eq!(pbw_consistency_check(&a, 3).status, Status::Pass);
    }

    fn word(n: usize, m: usize) -> impl Strategy<Value = Vec<Letter>> {
        prop::collection::vec((0..n + m, 1i64..3), 1..6).prop_map(move |ls| {
            ls.into_iter()
                .map(|(k, c)| {
                    if k < n {
                        Letter::Gen(k)
                    } else {
                        Letter::Coef(CoeffPoly::var(k - n).scale(&Scalar::from_int(c)))
                    }
                })
                .collect()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn strategy_independence_qweyl(w in word(1, 1), seed in 0u64..1000) {
            let a = qweyl();
            let l = normalize_word(&a, w.clone(), Order::Leftmost);
            prop_assert_eq!(&l, &normalize_word(&a, w.clone(), Order::Rightmost));
            prop_assert_eq!(&l, &normalize_word(&a, w, Order::Seeded(seed)));
        }

        #[test]
        fn idempotent_on_normal_forms(w in word(3, 0)) {
            let a = qaffine3();
            let f = normalize_word(&a, w, Order::Leftmost);
            prop_assert_eq!(normalize_terms(&a, words_of(&f), Order::Rightmost), f);
        }
    }
}
